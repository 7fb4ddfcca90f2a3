//! Plane geometry of monomial ideals in two variables.

use idealcore::ideal::Ideal;
use idealcore::kernel::Ring;
use idealcore::{Error, Result};

pub type Point = (u32, u32);

pub fn plane() -> Ring {
    Ring::rational(&["U", "V"])
}

/// Parses a comma-separated list of monomials in `U`, `V`.
pub fn parse_monomial_ideal(text: &str) -> Result<Ideal> {
    let r = plane();
    let gens: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if gens.is_empty() {
        return Err(Error::Unsupported("ideal requires at least one generator".into()));
    }
    let i = Ideal::parse(&r, &gens)?;
    if !i.is_monomial() {
        return Err(Error::Unsupported("the demo only draws monomial ideals".into()));
    }
    Ok(i)
}

/// Exponents of the minimal monomial generators, sorted by the `U` exponent.
pub fn exponents(i: &Ideal) -> Result<Vec<Point>> {
    let mut pts: Vec<Point> = Vec::new();
    for g in i.canonical_generators()? {
        let (_, m) = g.lead().ok_or(Error::Internal("zero generator".into()))?;
        let e = m.exps();
        pts.push((e[0] as u32, e[1] as u32));
    }
    pts.sort();
    Ok(pts)
}

/// `(a, b)` with `U^a V^b` outside the ideal, or `None` if there are infinitely many.
pub fn standard_monomials(gens: &[Point]) -> Option<Vec<Point>> {
    let amax = gens.iter().filter(|p| p.1 == 0).map(|p| p.0).min()?;
    let bmax = gens.iter().filter(|p| p.0 == 0).map(|p| p.1).min()?;
    let mut out = Vec::new();
    for a in 0..amax {
        for b in 0..bmax {
            if !gens.iter().any(|&(x, y)| x <= a && y <= b) {
                out.push((a, b));
            }
        }
    }
    Some(out)
}

fn cross(o: Point, a: Point, b: Point) -> i64 {
    let (ox, oy) = (o.0 as i64, o.1 as i64);
    (a.0 as i64 - ox) * (b.1 as i64 - oy) - (a.1 as i64 - oy) * (b.0 as i64 - ox)
}

/// Vertices of the compact boundary of the Newton polygon, from the `V`-axis to the `U`-axis.
pub fn newton_boundary(gens: &[Point]) -> Vec<Point> {
    let mut pts = gens.to_vec();
    pts.sort();
    pts.dedup();
    let mut hull: Vec<Point> = Vec::new();
    for p in pts {
        // only points that lower the minimum V exponent so far can be on the boundary
        if hull.last().is_some_and(|l| l.1 <= p.1) {
            continue;
        }
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

/// Twice the area between the axes and the Newton boundary, which is the
/// multiplicity of an m-primary monomial ideal.
pub fn twice_coarea(boundary: &[Point]) -> Option<u64> {
    let first = boundary.first()?;
    let last = boundary.last()?;
    if first.0 != 0 || last.1 != 0 {
        return None;
    }
    let mut twice = 0u64;
    for w in boundary.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        twice += (x1 - x0) as u64 * (y0 + y1) as u64;
    }
    Some(twice)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staircase_of_a_simple_ideal() {
        let i = parse_monomial_ideal("U^2, U*V, V^3").unwrap();
        let g = exponents(&i).unwrap();
        assert_eq!(g, vec![(0, 3), (1, 1), (2, 0)]);
        assert_eq!(standard_monomials(&g).unwrap(), vec![(0, 0), (0, 1), (0, 2), (1, 0)]);
        assert!(standard_monomials(&[(1, 1)]).is_none());
    }

    #[test]
    fn newton_polygons() {
        // (U^2, UV, V^3): boundary (0,3) (1,1) (2,0), twice area 5
        let b = newton_boundary(&[(0, 3), (1, 1), (2, 0)]);
        assert_eq!(b, vec![(0, 3), (1, 1), (2, 0)]);
        assert_eq!(twice_coarea(&b), Some(5));
        // UV sits above the segment from V^2 to U^2
        let b = newton_boundary(&[(0, 2), (1, 1), (2, 0)]);
        assert_eq!(b, vec![(0, 2), (2, 0)]);
        assert_eq!(twice_coarea(&b), Some(4));
        assert_eq!(twice_coarea(&newton_boundary(&[(0, 4), (1, 3), (3, 0)])), Some(12));
        assert_eq!(twice_coarea(&newton_boundary(&[(1, 1)])), None);
    }

    #[test]
    fn rejects_non_monomial_input() {
        assert!(parse_monomial_ideal("U + V").is_err());
        assert!(parse_monomial_ideal(" ").is_err());
    }
}
