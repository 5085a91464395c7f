//! Uniqueness on polyhedral cones: the face-span test on the orthant and on a
//! hexagonal cone, with perturbed-midpoint witnesses.

use conemetric::geodesics::balance_scale;
use conemetric::sampling::{regular_polygon_vertices, regular_polygonal_cone};
use conemetric::uniqueness::{self, face_span_test};
use conemetric::{ConeSpec, Point, Result};

fn main() -> Result<()> {
    let orthant = ConeSpec::orthant(3)?;
    let one = Point::from([1.0, 1.0, 1.0]);
    for y in [Point::from([2.0, 0.5, 1.0]), Point::from([2.0, 0.5, 0.5])] {
        let v = uniqueness::is_unique(&orthant, &one, &y)?;
        println!("orthant (1,1,1) vs {y}: {} via {}", v.status, v.method);
        if let Some(w) = v.witness {
            println!("  witness {w}");
        }
    }

    let hex = regular_polygonal_cone(6)?;
    let verts = regular_polygon_vertices(6);
    let edge_point = verts[3].combine(0.5, &verts[4], 0.5);
    for (label, b) in [
        ("an edge and a vertex", verts[0].clone()),
        ("two edges", verts[0].combine(0.7, &verts[1], 0.3)),
    ] {
        // x and y span the plane of edge_point and b, balanced
        let x = edge_point.combine(1.0, &b, 1.0);
        let y = edge_point.combine(2.0, &b, 0.5);
        let y = y.scale(balance_scale(&hex, &x, &y)?);
        let v = face_span_test(&hex, &x, &y)?;
        println!("hexagon, line meets {label}: {} via {}", v.status, v.method);
    }
    Ok(())
}
