#![allow(dead_code)]

use dhlc_core::exact::{int, rat, Rational};
use dhlc_core::polytope::{cut, Halfspace, Point, VRep};

pub fn cube(d: usize) -> VRep {
    let pts = (0..1u32 << d).map(|m| (0..d).map(|k| int(((m >> k) & 1) as i64)).collect()).collect();
    VRep::from_points(d, pts).unwrap()
}

pub fn simplex(d: usize) -> VRep {
    let mut pts = vec![vec![int(0); d]];
    for i in 0..d {
        let mut p = vec![int(0); d];
        p[i] = int(1);
        pts.push(p);
    }
    VRep::from_points(d, pts).unwrap()
}

pub fn cross(d: usize) -> VRep {
    let mut pts: Vec<Point> = Vec::new();
    for i in 0..d {
        for s in [1, -1] {
            let mut p = vec![int(0); d];
            p[i] = int(s);
            pts.push(p);
        }
    }
    VRep::from_points(d, pts).unwrap()
}

pub fn cut_square() -> VRep {
    cut(&cube(2), &[Halfspace::from_ints(&[-1, -1], rat(-3, 2)).unwrap()]).unwrap()
}

pub fn orbifold_triangle() -> VRep {
    VRep::from_int_points(2, &[&[0, 0], &[2, 0], &[0, 1]]).unwrap()
}

pub fn prism() -> VRep {
    let pts = [[0, 0], [1, 0], [0, 1]]
        .iter()
        .flat_map(|q| (0..2).map(move |x| vec![int(x), int(q[0]), int(q[1])]))
        .collect();
    VRep::from_points(3, pts).unwrap()
}

/// Polytopes with projections that are generic for them.
pub fn generic_cases() -> Vec<(&'static str, VRep, Vec<Vec<i64>>)> {
    vec![
        ("simplex2", simplex(2), vec![vec![1, 2], vec![2, 1], vec![1, 3]]),
        ("square", cube(2), vec![vec![1, 1], vec![1, 2], vec![2, -1]]),
        ("orbifold_triangle", orbifold_triangle(), vec![vec![1, 3], vec![1, 1], vec![2, 1]]),
        ("cut_square", cut_square(), vec![vec![1, 2], vec![2, 1], vec![3, -1]]),
        ("cross2", cross(2), vec![vec![1, 2], vec![1, 3], vec![2, -1]]),
        ("simplex3", simplex(3), vec![vec![1, 2, 3], vec![2, 5, 3], vec![1, -1, 2]]),
        ("cube3", cube(3), vec![vec![1, 1, 1], vec![1, 2, 5], vec![2, -1, 3]]),
        ("cross3", cross(3), vec![vec![1, 2, 4], vec![1, 3, -5], vec![2, -3, 7]]),
        ("prism", prism(), vec![vec![1, 2, 3], vec![3, 1, 2], vec![2, 1, -3]]),
        ("simplex4", simplex(4), vec![vec![1, 2, 3, 4], vec![1, -2, 3, 5], vec![4, 1, 3, 2]]),
        ("cube4", cube(4), vec![vec![1, 2, 3, 5], vec![1, 1, 1, 1], vec![2, -1, 3, 1]]),
        ("cross4", cross(4), vec![vec![1, 2, 4, 8], vec![1, 3, 7, -12], vec![2, 3, 5, -13]]),
    ]
}

pub fn q(s: &str) -> Rational {
    dhlc_core::exact::parse_rational(s).unwrap()
}
