//! Even-odd point-in-polygon tests on lattice polygons.
//!
//! Callers build polygons whose corners never coincide with the query points (primal
//! corners against dual queries and the other way round), so boundary cases do not arise.

pub(crate) type Point = (f64, f64);

pub(crate) fn contains(poly: &[Point], (px, py): Point) -> bool {
    let mut inside = false;
    let mut j = poly.len() - 1;
    for i in 0..poly.len() {
        let (xi, yi) = poly[i];
        let (xj, yj) = poly[j];
        if (yi > py) != (yj > py) && px < (xj - xi) * (py - yi) / (yj - yi) + xi {
            inside = !inside;
        }
        j = i;
    }
    inside
}

/// Integer bounding box (x0, x1, y0, y1) of a polygon.
pub(crate) fn bounds(poly: &[Point]) -> (i32, i32, i32, i32) {
    let fold = |f: fn(&Point) -> f64| {
        poly.iter().map(f).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
    };
    let (x0, x1) = fold(|p| p.0);
    let (y0, y1) = fold(|p| p.1);
    (x0.floor() as i32, x1.ceil() as i32, y0.floor() as i32, y1.ceil() as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_holds_its_face() {
        let sq = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        assert!(contains(&sq, (0.5, 0.5)));
        assert!(!contains(&sq, (1.5, 0.5)));
        assert!(!contains(&sq, (0.5, -0.5)));
        assert_eq!(bounds(&sq), (0, 1, 0, 1));
    }

    #[test]
    fn concave_polygon() {
        // U shape: faces inside the notch are outside
        let u = [(0.0, 0.0), (3.0, 0.0), (3.0, 3.0), (2.0, 3.0), (2.0, 1.0), (1.0, 1.0), (1.0, 3.0), (0.0, 3.0)];
        assert!(contains(&u, (0.5, 2.5)));
        assert!(!contains(&u, (1.5, 2.5)));
        assert!(contains(&u, (1.5, 0.5)));
    }
}
