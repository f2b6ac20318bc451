use std::fmt::Write as _;
use std::str::FromStr;

use qcx_core::Point;

/// `x0:x1:nx,y0:y1:ny`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub nx: usize,
    pub ny: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let axis = |part: &str| -> Result<(f64, f64, usize), String> {
            let f: Vec<&str> = part.split(':').collect();
            if f.len() != 3 {
                return Err(format!("expected lo:hi:count, got {part:?}"));
            }
            let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
            let n = f[2].trim().parse::<usize>().map_err(|e| format!("{:?}: {e}", f[2]))?;
            Ok((num(f[0])?, num(f[1])?, n))
        };
        let (xs, ys) = s.split_once(',').ok_or("expected x0:x1:nx,y0:y1:ny")?;
        let (x0, x1, nx) = axis(xs)?;
        let (y0, y1, ny) = axis(ys)?;
        let g = GridSpec { x_range: (x0, x1), y_range: (y0, y1), nx, ny };
        g.validate()?;
        Ok(g)
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), String> {
        let ok = |(a, b): (f64, f64)| a.is_finite() && b.is_finite() && a < b;
        if !ok(self.x_range) || !ok(self.y_range) {
            return Err("grid ranges must be finite with lo < hi".into());
        }
        if self.nx < 2 || self.ny < 2 {
            return Err("grid counts must be at least 2".into());
        }
        Ok(())
    }

    pub fn x(&self, i: usize) -> f64 {
        lerp(self.x_range, i, self.nx)
    }

    pub fn y(&self, j: usize) -> f64 {
        lerp(self.y_range, j, self.ny)
    }

    /// Nodes in row-major order, `y` outer.
    pub fn nodes(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.ny).flat_map(move |j| (0..self.nx).map(move |i| Point::new(self.x(i), self.y(j))))
    }
}

fn lerp((a, b): (f64, f64), i: usize, n: usize) -> f64 {
    if i + 1 == n {
        b
    } else {
        a + (b - a) * i as f64 / (n - 1) as f64
    }
}

/// Sample points per grid cell along each drawn line.
const LINE_SUBDIV: usize = 8;

pub fn csv<F>(spec: &GridSpec, f: F) -> Result<String, String>
where
    F: Fn(Point) -> Result<Point, String>,
{
    let mut out = String::from("x,y,Fx,Fy\n");
    for z in spec.nodes() {
        let w = f(z)?;
        writeln!(out, "{},{},{},{}", z.re, z.im, w.re, w.im).unwrap();
    }
    Ok(out)
}

fn polyline(out: &mut String, id: &str, pts: &[Point]) {
    write!(out, "<path id=\"{id}\" d=\"").unwrap();
    for (k, p) in pts.iter().enumerate() {
        let cmd = if k == 0 { 'M' } else { 'L' };
        write!(out, "{cmd}{:.6} {:.6} ", p.re, -p.im).unwrap();
    }
    out.pop();
    out.push_str("\"/>\n");
}

/// Source grid and its image, one path per grid line, with the integers on
/// the real axis marked in both layers.
pub fn svg<F>(spec: &GridSpec, f: F) -> Result<String, String>
where
    F: Fn(Point) -> Result<Point, String>,
{
    let (x0, x1) = spec.x_range;
    let (y0, y1) = spec.y_range;
    let hline = |y: f64| -> Vec<Point> {
        let n = (spec.nx - 1) * LINE_SUBDIV;
        (0..=n).map(|k| Point::new(lerp((x0, x1), k, n + 1), y)).collect()
    };
    let vline = |x: f64| -> Vec<Point> {
        let n = (spec.ny - 1) * LINE_SUBDIV;
        (0..=n).map(|k| Point::new(x, lerp((y0, y1), k, n + 1))).collect()
    };
    let mut ids = Vec::with_capacity(spec.nx + spec.ny);
    let mut sources = Vec::with_capacity(spec.nx + spec.ny);
    for j in 0..spec.ny {
        ids.push(format!("h{j}"));
        sources.push(hline(spec.y(j)));
    }
    for i in 0..spec.nx {
        ids.push(format!("v{i}"));
        sources.push(vline(spec.x(i)));
    }
    let marks: Vec<Point> = if y0 <= 0.0 && 0.0 <= y1 {
        (x0.ceil() as i64..=x1.floor() as i64).map(|n| Point::real(n as f64)).collect()
    } else {
        Vec::new()
    };

    let mut images = Vec::with_capacity(sources.len());
    let (mut lo, mut hi) = (Point::new(x0, y0), Point::new(x1, y1));
    for pts in &sources {
        let img = pts.iter().map(|&z| f(z)).collect::<Result<Vec<_>, _>>()?;
        for w in &img {
            lo = Point::new(lo.re.min(w.re), lo.im.min(w.im));
            hi = Point::new(hi.re.max(w.re), hi.im.max(w.im));
        }
        images.push(img);
    }
    let mark_images = marks.iter().map(|&z| f(z)).collect::<Result<Vec<_>, _>>()?;

    let size = (hi.re - lo.re).max(hi.im - lo.im);
    let pad = 0.05 * size;
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">",
        lo.re - pad,
        -hi.im - pad,
        hi.re - lo.re + 2.0 * pad,
        hi.im - lo.im + 2.0 * pad
    )
    .unwrap();
    let stroke = 0.004 * size;
    let r = 2.0 * stroke;
    let layers = [("source", "#bbbbbb", &sources, &marks), ("image", "#1f4e99", &images, &mark_images)];
    for (layer, color, paths, dots) in layers {
        writeln!(out, "<g id=\"{layer}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{stroke:.6}\">").unwrap();
        for (id, pts) in ids.iter().zip(paths) {
            polyline(&mut out, &format!("{layer}-{id}"), pts);
        }
        for (z, src) in dots.iter().zip(&marks) {
            writeln!(
                out,
                "<circle data-n=\"{}\" cx=\"{:.6}\" cy=\"{:.6}\" r=\"{r:.6}\" fill=\"{color}\"/>",
                src.re as i64, z.re, -z.im
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
