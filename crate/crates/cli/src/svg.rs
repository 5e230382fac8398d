//! Deterministic SVG rendering of 2D scenes: a body with optional erosion,
//! cut pieces, planks and Voronoi cells. All coordinates are printed with
//! 12 significant digits so identical inputs produce byte-identical files.

use plankgeo::geometry::hull::vertices_from_halfspaces_2d;
use plankgeo::{ConvexBody, CutTree, PartitionFamily, Plank};

/// Fixed 12-significant-digit decimal formatting.
pub fn fmt12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).clamp(0, 17) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub struct Scene<'a> {
    pub body: &'a ConvexBody,
    pub erosion: Option<&'a ConvexBody>,
    pub pieces: Option<&'a PartitionFamily>,
    pub planks: &'a [Plank],
    pub cells: Option<&'a PartitionFamily>,
    pub sites: &'a [Vec<f64>],
    pub cut_tree: Option<&'a CutTree>,
}

struct Frame {
    xmin: f64,
    ymax: f64,
    scale: f64,
}

impl Frame {
    fn map(&self, p: &[f64]) -> (f64, f64) {
        (
            (p[0] - self.xmin) * self.scale + 20.0,
            (self.ymax - p[1]) * self.scale + 20.0,
        )
    }
}

fn polygon_path(verts: &[Vec<f64>], frame: &Frame) -> String {
    let mut d = String::new();
    for (i, v) in verts.iter().enumerate() {
        let (x, y) = frame.map(v);
        d.push_str(if i == 0 { "M" } else { "L" });
        d.push_str(&fmt12(x));
        d.push(' ');
        d.push_str(&fmt12(y));
    }
    d.push('Z');
    d
}

fn body_outline(b: &ConvexBody, frame: &Frame, style: &str) -> String {
    match b.rep() {
        plankgeo::BodyRep::Ball { center, radius } => {
            let (cx, cy) = frame.map(center);
            format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" {} />\n",
                fmt12(cx),
                fmt12(cy),
                fmt12(radius * frame.scale),
                style
            )
        }
        _ => match b.vertices() {
            Some(vs) if vs.len() >= 3 => {
                format!("<path d=\"{}\" {} />\n", polygon_path(vs, frame), style)
            }
            _ => String::new(),
        },
    }
}

/// Renders the scene; 2D only.
pub fn render(scene: &Scene) -> Result<String, plankgeo::Error> {
    if scene.body.dim() != 2 {
        return Err(plankgeo::Error::InvalidInput(
            "plotting is 2D-only".into(),
        ));
    }
    // Frame: body bounding box with 15% padding, 640px wide.
    let profile = plankgeo::geometry::width::bounding_box_of(scene.body)?;
    let (mut xmin, mut xmax) = profile[0];
    let (mut ymin, mut ymax) = profile[1];
    let pad = 0.15 * ((xmax - xmin).max(ymax - ymin)).max(1e-9);
    xmin -= pad;
    xmax += pad;
    ymin -= pad;
    ymax += pad;
    let scale = 600.0 / (xmax - xmin).max(ymax - ymin);
    let frame = Frame { xmin, ymax, scale };
    let width = (xmax - xmin) * scale + 40.0;
    let height = (ymax - ymin) * scale + 40.0;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        fmt12(width), fmt12(height), fmt12(width), fmt12(height)
    ));

    // Planks as translucent bands clipped to the padded frame box.
    let frame_normals = vec![
        vec![1.0, 0.0],
        vec![-1.0, 0.0],
        vec![0.0, 1.0],
        vec![0.0, -1.0],
    ];
    let frame_offsets = vec![xmax, -xmin, ymax, -ymin];
    for p in scene.planks {
        let mut normals = frame_normals.clone();
        let mut offsets = frame_offsets.clone();
        normals.push(p.normal().components().to_vec());
        offsets.push(p.high());
        normals.push(plankgeo::linalg::neg(p.normal().components()));
        offsets.push(-p.low());
        let verts = vertices_from_halfspaces_2d(&normals, &offsets, xmax.abs().max(ymax.abs()));
        if verts.len() >= 3 {
            out.push_str(&format!(
                "<path d=\"{}\" fill=\"#4477aa\" fill-opacity=\"0.18\" stroke=\"#4477aa\" stroke-width=\"1\" />\n",
                polygon_path(&verts, &frame)
            ));
        }
    }

    // Partition cells (cuts or Voronoi) under the body outline.
    for family in [scene.pieces, scene.cells].into_iter().flatten() {
        for cell in &family.cells {
            out.push_str(&body_outline(
                cell,
                &frame,
                "fill=\"none\" stroke=\"#bb5566\" stroke-width=\"1.5\"",
            ));
        }
    }

    // The body.
    out.push_str(&body_outline(
        scene.body,
        &frame,
        "fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"",
    ));

    // Erosion, dashed.
    if let Some(e) = scene.erosion {
        out.push_str(&body_outline(
            e,
            &frame,
            "fill=\"none\" stroke=\"#228833\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"",
        ));
    }

    // Explicit cut tree lines (when not already drawn as pieces).
    if let (Some(tree), None) = (scene.cut_tree, scene.pieces) {
        let mut stack = vec![tree];
        while let Some(t) = stack.pop() {
            if let CutTree::Cut { plane, below, above } = t {
                let n = plane.normal.components();
                let dir = [-n[1], n[0]];
                let base = [n[0] * plane.offset, n[1] * plane.offset];
                let a = [base[0] - dir[0] * 1e3, base[1] - dir[1] * 1e3];
                let b = [base[0] + dir[0] * 1e3, base[1] + dir[1] * 1e3];
                let (x1, y1) = frame.map(&a);
                let (x2, y2) = frame.map(&b);
                out.push_str(&format!(
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#bb5566\" stroke-width=\"1.5\" />\n",
                    fmt12(x1), fmt12(y1), fmt12(x2), fmt12(y2)
                ));
                stack.push(below);
                stack.push(above);
            }
        }
    }

    // Voronoi sites.
    for s in scene.sites {
        let (cx, cy) = frame.map(s);
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#000000\" />\n",
            fmt12(cx),
            fmt12(cy)
        ));
    }

    out.push_str("</svg>\n");
    Ok(out)
}
