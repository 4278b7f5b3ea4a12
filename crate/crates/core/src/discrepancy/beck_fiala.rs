//! Floating-coloring algorithm realizing the `2d - 1` hypergraph bound.

use super::{Hypergraph, SignedColoring};

/// Snap-to-face threshold. Floating variables this close to ±1 are frozen
/// outright so the strict per-variable movement bound survives the
/// accumulated rounding of repeated null-space moves.
const FACE_SNAP: f64 = 1e-9;

/// Iterative rounding: maintain a fractional coloring, repeatedly move along
/// a direction that keeps every big edge's floating sum constant until some
/// variable hits ±1, and drop edges once at most `d` of their vertices still
/// float. Every edge ends with `|sum| <= 2d - 1` where `d` is the maximum
/// vertex degree.
pub fn beck_fiala(h: &Hypergraph) -> SignedColoring {
    let n = h.n();
    let d = h.max_degree();
    let mut x = vec![0.0f64; n];
    let mut floating: Vec<bool> = vec![true; n];
    let mut float_count = n;

    // Edges currently "big": strictly more than d floating vertices.
    let float_size = |e: &[usize], floating: &[bool]| e.iter().filter(|&&v| floating[v]).count();

    while float_count > 0 {
        let float_idx: Vec<usize> = (0..n).filter(|&i| floating[i]).collect();
        let col_of: Vec<Option<usize>> = {
            let mut m = vec![None; n];
            for (c, &v) in float_idx.iter().enumerate() {
                m[v] = Some(c);
            }
            m
        };
        let big: Vec<&Vec<usize>> = h
            .edges()
            .iter()
            .filter(|e| float_size(e, &floating) > d)
            .collect();

        let z = nullspace_direction(&big, &col_of, float_idx.len());

        // Step to the first face hit by x + t z over floating coordinates.
        let mut t_min = f64::INFINITY;
        let mut hit = usize::MAX;
        for (c, &v) in float_idx.iter().enumerate() {
            if z[c] == 0.0 {
                continue;
            }
            let t = if z[c] > 0.0 { (1.0 - x[v]) / z[c] } else { (-1.0 - x[v]) / z[c] };
            if t < t_min {
                t_min = t;
                hit = v;
            }
        }
        debug_assert!(hit != usize::MAX, "null-space direction was zero");
        for (c, &v) in float_idx.iter().enumerate() {
            x[v] += t_min * z[c];
        }
        x[hit] = x[hit].signum();
        floating[hit] = false;
        float_count -= 1;
        // Near-face stragglers freeze too; see FACE_SNAP.
        for &v in &float_idx {
            if floating[v] && x[v].abs() >= 1.0 - FACE_SNAP {
                x[v] = if x[v] < 0.0 { -1.0 } else { 1.0 };
                floating[v] = false;
                float_count -= 1;
            }
        }
    }

    SignedColoring::new(x.iter().map(|&v| if v < 0.0 { -1 } else { 1 }).collect())
}

/// One nonzero vector in the null space of the big-edge incidence matrix
/// restricted to floating columns. The degree argument guarantees
/// `rank <= #big < #floating`, so a free column always exists.
fn nullspace_direction(
    big: &[&Vec<usize>],
    col_of: &[Option<usize>],
    cols: usize,
) -> Vec<f64> {
    let rows = big.len();
    if rows == 0 {
        let mut z = vec![0.0; cols];
        z[0] = 1.0;
        return z;
    }
    let mut a: Vec<Vec<f64>> = vec![vec![0.0; cols]; rows];
    for (r, e) in big.iter().enumerate() {
        for &v in e.iter() {
            if let Some(c) = col_of[v] {
                a[r][c] = 1.0;
            }
        }
    }
    // Row-echelon with partial pivoting; record pivot column per row.
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row = 0usize;
    for col in 0..cols {
        let mut best = row;
        for r in row..rows {
            if a[r][col].abs() > a[best][col].abs() {
                best = r;
            }
        }
        if row >= rows || a[best][col].abs() < 1e-9 {
            continue;
        }
        a.swap(row, best);
        let inv = 1.0 / a[row][col];
        for c in col..cols {
            a[row][c] *= inv;
        }
        for r in 0..rows {
            if r != row && a[r][col].abs() > 0.0 {
                let f = a[r][col];
                for c in col..cols {
                    a[r][c] -= f * a[row][c];
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    // First non-pivot column drives the direction.
    let mut is_pivot = vec![false; cols];
    for &c in &pivot_cols {
        is_pivot[c] = true;
    }
    let free = (0..cols).find(|&c| !is_pivot[c]).expect("free column must exist");
    let mut z = vec![0.0; cols];
    z[free] = 1.0;
    for (r, &pc) in pivot_cols.iter().enumerate() {
        z[pc] = -a[r][free];
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrepancy::Hypergraph;

    #[test]
    fn single_edge_degree_one() {
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        let f = beck_fiala(&h);
        assert!(h.discrepancy(&f) <= 1, "bound 2d-1 with d = 1");
    }

    #[test]
    fn empty_hypergraph() {
        let h = Hypergraph::new(4, vec![]).unwrap();
        let f = beck_fiala(&h);
        assert_eq!(f.len(), 4);
        assert_eq!(h.discrepancy(&f), 0);
    }

    /// Fano plane: brute force gives the true min-max discrepancy; the
    /// algorithm must land between that optimum and 2d - 1 = 5.
    #[test]
    fn fano_plane_within_bounds() {
        let lines = vec![
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![0, 5, 6],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
        ];
        let h = Hypergraph::new(7, lines).unwrap();
        assert_eq!(h.max_degree(), 3);

        let mut best = i64::MAX;
        for mask in 0u32..1 << 7 {
            let signs: Vec<i8> =
                (0..7).map(|i| if mask >> i & 1 == 1 { 1 } else { -1 }).collect();
            best = best.min(h.discrepancy(&SignedColoring::new(signs)));
        }
        // Every line has odd size so sums are odd; the exhaustive scan shows
        // discrepancy 1 on all seven lines simultaneously is unattainable and
        // the true optimum is 3.
        assert_eq!(best, 3);

        let f = beck_fiala(&h);
        let disc = h.discrepancy(&f);
        assert!(disc <= 5, "got {disc}");
        assert!(disc >= best);
    }

    #[test]
    fn respects_bound_on_random_hypergraphs() {
        use rand::Rng;
        let mut rng = crate::rng::rng_from_seed(99);
        for _ in 0..50 {
            let n = rng.gen_range(3..40);
            let m = rng.gen_range(1..30);
            let edges: Vec<Vec<usize>> = (0..m)
                .map(|_| {
                    let k = rng.gen_range(1..=n.min(6));
                    rand::seq::index::sample(&mut rng, n, k).into_vec()
                })
                .collect();
            let h = Hypergraph::new(n, edges).unwrap();
            let f = beck_fiala(&h);
            let bound = 2 * h.max_degree() as i64 - 1;
            assert!(h.discrepancy(&f) <= bound.max(0));
        }
    }
}
