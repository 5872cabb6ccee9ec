use super::PushforwardError;
use crate::exact::{int, PiecewisePoly, Rational, UniPoly};
use crate::linalg;
use crate::polytope::Simplex;

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `(c - t)^m` as a polynomial in `t`.
fn truncated_power_piece(c: &Rational, m: usize) -> UniPoly {
    let base = UniPoly::new(vec![c.clone(), int(-1)]);
    (0..m).fold(UniPoly::constant(int(1)), |acc, _| &acc * &base)
}

/// Divided difference over `nodes` (sorted, repeats allowed) of
/// `x -> (x - t)_+^{deg}`, valid for `t` strictly between consecutive
/// distinct nodes. `below[i]` says node `i` lies left of the `t` range, where
/// the truncated power and all its derivatives vanish.
fn truncated_power_divided_difference(nodes: &[Rational], below: &[bool], deg: usize) -> UniPoly {
    let m = nodes.len();
    // table[i] holds [x_i, ..., x_{i+len}] for the current len
    let mut table: Vec<UniPoly> = (0..m)
        .map(|i| if below[i] { UniPoly::zero() } else { truncated_power_piece(&nodes[i], deg) })
        .collect();
    for len in 1..m {
        let mut next = Vec::with_capacity(m - len);
        for i in 0..m - len {
            let j = i + len;
            let entry = if nodes[i] == nodes[j] {
                // confluent: f^{(len)}(x_i) / len!
                if below[i] || len > deg {
                    UniPoly::zero()
                } else {
                    truncated_power_piece(&nodes[i], deg - len).scale(&int(binomial(deg, len)))
                }
            } else {
                (&table[i + 1] - &table[i]).scale(&(int(1) / (&nodes[j] - &nodes[i])))
            };
            next.push(entry);
        }
        table = next;
    }
    table.pop().unwrap_or_default()
}

/// Exact density of the image of Lebesgue measure on `s` under
/// `x -> <w, x>`.
///
/// With vertex images `t_0..t_n` the density is
/// `n * vol(S) * [t_0, ..., t_n] (· - t)_+^{n-1}` (the Curry–Schoenberg
/// B-spline scaled to total mass `vol(S)`), using confluent divided
/// differences when images repeat.
pub fn simplex_pushforward(s: &Simplex, w: &[i64]) -> Result<PiecewisePoly, PushforwardError> {
    let n = s.dim();
    let wr: Vec<Rational> = w.iter().map(|&c| int(c)).collect();
    let mut nodes: Vec<Rational> = s.vertices().iter().map(|v| linalg::dot(&wr, v)).collect();
    nodes.sort();
    if n == 0 || nodes.first() == nodes.last() {
        return Err(PushforwardError::ZeroProjection);
    }
    let mut distinct = nodes.clone();
    distinct.dedup();
    let scale = s.volume() * int(n as i64);
    let two = int(2);
    let pieces = distinct
        .windows(2)
        .map(|win| {
            let mid = (&win[0] + &win[1]) / &two;
            let below: Vec<bool> = nodes.iter().map(|x| x < &mid).collect();
            truncated_power_divided_difference(&nodes, &below, n - 1).scale(&scale)
        })
        .collect();
    let f = PiecewisePoly::new(distinct, pieces).expect("distinct sorted breakpoints");
    Ok(f.canonicalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn simplex(v: &[&[i64]]) -> Simplex {
        Simplex::new(v.iter().map(|p| p.iter().map(|&c| int(c)).collect()).collect()).unwrap()
    }

    #[test]
    fn standard_triangle_first_coordinate() {
        // fiber over t is a segment of length 1 - t
        let f = simplex_pushforward(&simplex(&[&[0, 0], &[1, 0], &[0, 1]]), &[1, 0]).unwrap();
        assert_eq!(f, PiecewisePoly::single(int(0), int(1), UniPoly::from_ints(&[1, -1])));
    }

    #[test]
    fn unit_segment() {
        let f = simplex_pushforward(&simplex(&[&[0], &[1]]), &[1]).unwrap();
        assert_eq!(f, PiecewisePoly::single(int(0), int(1), UniPoly::from_ints(&[1])));
    }

    #[test]
    fn standard_triangle_diagonal() {
        // fiber over t has length t (measured in the first coordinate)
        let f = simplex_pushforward(&simplex(&[&[0, 0], &[1, 0], &[0, 1]]), &[1, 1]).unwrap();
        assert_eq!(f, PiecewisePoly::single(int(0), int(1), UniPoly::x()));
    }

    #[test]
    fn distinct_images_and_mass() {
        let s = simplex(&[&[0, 0, 0], &[2, 0, 0], &[0, 1, 0], &[1, 1, 3]]);
        let f = simplex_pushforward(&s, &[1, 3, 1]).unwrap();
        assert_eq!(f.total_mass(), s.volume());
        assert_eq!(f.breakpoints(), &[int(0), int(2), int(3), int(7)]);
        // continuous at the interior breakpoints
        for b in &f.breakpoints()[1..3] {
            let (l, r) = f.one_sided_derivatives(b, 0);
            assert_eq!(l, r);
        }
        assert_eq!(f.eval(&rat(1, 1000)) > int(0), true);
    }

    #[test]
    fn constant_projection_is_an_error() {
        assert_eq!(
            simplex_pushforward(&simplex(&[&[0, 0], &[1, 0], &[0, 1]]), &[0, 0]),
            Err(PushforwardError::ZeroProjection)
        );
    }
}
