//! Pixel sampling of region membership over a complex-plane window, and
//! emitters for SVG, binary PPM, and CSV.
//!
//! Pixel convention: column 0 is the left edge, row 0 is the top edge,
//! and pixel `(col, row)` samples the center point
//! `re_min + (col + 0.5) * re_extent / width`,
//! `im_max - (row + 0.5) * im_extent / height`.
//! Membership is evaluated at pixel centers only; there is no
//! supersampling, so boundaries alias at the pixel scale.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::region::{region_contains, RegionQuery, Window};
use crate::tensor::RowSums;

/// Window plus pixel resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub window: Window,
    pub width: usize,
    pub height: usize,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        self.window.validate()?;
        if self.width < 2 || self.height < 2 {
            return Err(Error::ResolutionTooSmall {
                width: self.width,
                height: self.height,
            });
        }
        Ok(())
    }

    /// Center of pixel `(col, row)`.
    pub fn pixel_center(&self, col: usize, row: usize) -> Complex64 {
        let w = &self.window;
        Complex64::new(
            w.re_min + (col as f64 + 0.5) * w.re_extent() / self.width as f64,
            w.im_max - (row as f64 + 0.5) * w.im_extent() / self.height as f64,
        )
    }
}

/// A labeled membership bitmap over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RasterGrid {
    window: Window,
    width: usize,
    height: usize,
    label: String,
    bits: Vec<bool>,
}

impl RasterGrid {
    /// Wraps an existing bitmap (row-major, row 0 on top).
    pub fn from_bits(
        window: Window,
        width: usize,
        height: usize,
        label: impl Into<String>,
        bits: Vec<bool>,
    ) -> Result<Self> {
        let spec = GridSpec {
            window,
            width,
            height,
        };
        spec.validate()?;
        if bits.len() != width * height {
            return Err(Error::DimensionMismatch {
                expected: width * height,
                got: bits.len(),
            });
        }
        Ok(RasterGrid {
            window,
            width,
            height,
            label: label.into(),
            bits,
        })
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn get(&self, col: usize, row: usize) -> bool {
        assert!(col < self.width && row < self.height, "pixel out of range");
        self.bits[row * self.width + col]
    }

    /// Number of set pixels.
    pub fn count_set(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn spec(&self) -> GridSpec {
        GridSpec {
            window: self.window,
            width: self.width,
            height: self.height,
        }
    }
}

/// Evaluates the query at every pixel center. The grid label is the
/// region's name.
pub fn rasterize(s: &RowSums, q: &RegionQuery, g: &GridSpec) -> Result<RasterGrid> {
    g.validate()?;
    q.validate(s.dim())?;
    let mut bits = Vec::with_capacity(g.width * g.height);
    for row in 0..g.height {
        for col in 0..g.width {
            bits.push(region_contains(s, q, g.pixel_center(col, row))?);
        }
    }
    RasterGrid::from_bits(g.window, g.width, g.height, q.region.to_string(), bits)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    Svg,
    Ppm,
    Csv,
}

/// One bitmap plus its paint color (ignored by CSV).
#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub grid: RasterGrid,
    pub color: (u8, u8, u8),
}

/// Renders the layers, first layer at the bottom, later layers painted
/// over it, plus cross markers at the given points (SVG and PPM only).
/// All layers must share window and resolution.
pub fn emit(layers: &[Layer], format: ImageFormat, markers: &[Complex64]) -> Result<Vec<u8>> {
    let first = layers.first().ok_or(Error::NoLayers)?;
    let spec = first.grid.spec();
    for layer in layers {
        if layer.grid.spec() != spec {
            return Err(Error::LayerMismatch);
        }
    }
    Ok(match format {
        ImageFormat::Svg => emit_svg(layers, &spec, markers).into_bytes(),
        ImageFormat::Ppm => emit_ppm(layers, &spec, markers),
        ImageFormat::Csv => emit_csv(layers, &spec).into_bytes(),
    })
}

fn emit_svg(layers: &[Layer], spec: &GridSpec, markers: &[Complex64]) -> String {
    let (w, h) = (spec.width, spec.height);
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    ));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"#ffffff\"/>\n"
    ));
    for layer in layers {
        let (r, g, b) = layer.color;
        let fill = format!("#{r:02x}{g:02x}{b:02x}");
        out.push_str(&format!("<g fill=\"{fill}\">\n"));
        for row in 0..h {
            let mut col = 0;
            while col < w {
                if !layer.grid.get(col, row) {
                    col += 1;
                    continue;
                }
                let run_start = col;
                while col < w && layer.grid.get(col, row) {
                    col += 1;
                }
                out.push_str(&format!(
                    "<rect x=\"{run_start}\" y=\"{row}\" width=\"{}\" height=\"1\"/>\n",
                    col - run_start
                ));
            }
        }
        out.push_str("</g>\n");
    }
    if !markers.is_empty() {
        out.push_str("<g stroke=\"#000000\" stroke-width=\"1.5\" fill=\"none\">\n");
        let arm = 4.0;
        for z in markers {
            let (x, y) = to_canvas(spec, *z);
            out.push_str(&format!(
                "<path d=\"M {} {} L {} {} M {} {} L {} {}\"/>\n",
                fmt_coord(x - arm),
                fmt_coord(y - arm),
                fmt_coord(x + arm),
                fmt_coord(y + arm),
                fmt_coord(x - arm),
                fmt_coord(y + arm),
                fmt_coord(x + arm),
                fmt_coord(y - arm),
            ));
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

/// Continuous canvas coordinates of a complex point (x right, y down).
fn to_canvas(spec: &GridSpec, z: Complex64) -> (f64, f64) {
    let w = &spec.window;
    (
        (z.re - w.re_min) / w.re_extent() * spec.width as f64,
        (w.im_max - z.im) / w.im_extent() * spec.height as f64,
    )
}

fn fmt_coord(v: f64) -> String {
    // two decimals is well under a pixel and keeps files readable
    format!("{v:.2}")
}

fn emit_ppm(layers: &[Layer], spec: &GridSpec, markers: &[Complex64]) -> Vec<u8> {
    let (w, h) = (spec.width, spec.height);
    let mut pixels = vec![255u8; w * h * 3];
    for layer in layers {
        let (r, g, b) = layer.color;
        for row in 0..h {
            for col in 0..w {
                if layer.grid.get(col, row) {
                    let at = (row * w + col) * 3;
                    pixels[at] = r;
                    pixels[at + 1] = g;
                    pixels[at + 2] = b;
                }
            }
        }
    }
    for z in markers {
        let (x, y) = to_canvas(spec, *z);
        let (col, row) = (x.floor() as i64, y.floor() as i64);
        for d in -3i64..=3 {
            for (pc, pr) in [(col + d, row + d), (col + d, row - d)] {
                if (0..w as i64).contains(&pc) && (0..h as i64).contains(&pr) {
                    let at = (pr as usize * w + pc as usize) * 3;
                    pixels[at] = 0;
                    pixels[at + 1] = 0;
                    pixels[at + 2] = 0;
                }
            }
        }
    }
    let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
    out.extend_from_slice(&pixels);
    out
}

fn emit_csv(layers: &[Layer], spec: &GridSpec) -> String {
    let mut out = String::from("re,im");
    for layer in layers {
        out.push(',');
        out.push_str(layer.grid.label());
    }
    out.push('\n');
    for row in 0..spec.height {
        for col in 0..spec.width {
            let z = spec.pixel_center(col, row);
            out.push_str(&format!("{:?},{:?}", z.re, z.im));
            for layer in layers {
                out.push_str(if layer.grid.get(col, row) { ",1" } else { ",0" });
            }
            out.push('\n');
        }
    }
    out
}

/// Parses CSV produced by [`emit`] back into one grid per layer column.
/// The bitmap, labels, and resolution come back exactly; the window is
/// reconstructed from the pixel centers (the format does not carry the
/// window edges themselves).
pub fn parse_csv(text: &str) -> Result<Vec<RasterGrid>> {
    let bad = |line: usize, message: &str| Error::CsvFormat {
        line,
        message: message.to_string(),
    };
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| bad(1, "empty input"))?;
    let mut fields = header.split(',');
    if fields.next() != Some("re") || fields.next() != Some("im") {
        return Err(bad(1, "header must start with re,im"));
    }
    let labels: Vec<String> = fields.map(str::to_string).collect();
    if labels.is_empty() {
        return Err(bad(1, "no layer columns"));
    }

    let mut centers: Vec<(f64, f64)> = Vec::new();
    let mut bits: Vec<Vec<bool>> = vec![Vec::new(); labels.len()];
    for (at, line) in lines {
        let lineno = at + 1;
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != labels.len() + 2 {
            return Err(bad(lineno, "wrong field count"));
        }
        let re: f64 = parts[0].parse().map_err(|_| bad(lineno, "bad re value"))?;
        let im: f64 = parts[1].parse().map_err(|_| bad(lineno, "bad im value"))?;
        centers.push((re, im));
        for (k, part) in parts[2..].iter().enumerate() {
            match *part {
                "0" => bits[k].push(false),
                "1" => bits[k].push(true),
                _ => return Err(bad(lineno, "membership must be 0 or 1")),
            }
        }
    }

    // the first row of pixels shares one im value; its length is the width
    let total = centers.len();
    if total < 4 {
        return Err(bad(1, "too few pixel rows"));
    }
    let first_im = centers[0].1;
    let width = centers
        .iter()
        .position(|&(_, im)| im != first_im)
        .ok_or_else(|| bad(1, "only one pixel row"))?;
    if width < 2 || !total.is_multiple_of(width) {
        return Err(bad(1, "grid is not rectangular"));
    }
    let height = total / width;
    if height < 2 {
        return Err(bad(1, "grid is not rectangular"));
    }
    let dre = centers[1].0 - centers[0].0;
    let dim = centers[0].1 - centers[width].1;
    let window = Window {
        re_min: centers[0].0 - dre / 2.0,
        re_max: centers[width - 1].0 + dre / 2.0,
        im_min: centers[total - 1].1 - dim / 2.0,
        im_max: centers[0].1 + dim / 2.0,
    };
    labels
        .into_iter()
        .zip(bits)
        .map(|(label, b)| RasterGrid::from_bits(window, width, height, label, b))
        .collect()
}
