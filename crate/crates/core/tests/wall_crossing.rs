mod common;

use common::generic_cases;
use dhlc_core::logconcave::{graham_wall_check, logconcave_on_line};
use dhlc_core::polytope::volume;
use dhlc_core::pushforward::{components_at, degree_check, dh_compute, fixed_components, gls_jump, DegreeVerdict, ToricModel};

#[test]
fn jumps_match_fixed_point_data_in_every_dimension() {
    for (name, p, ws) in generic_cases() {
        for w in ws {
            let model = ToricModel::along(p.clone(), &w).unwrap();
            let f = dh_compute(&model).unwrap();
            let comps = fixed_components(&model).unwrap();
            let mut levels: Vec<_> = comps.iter().map(|c| c.level.clone()).collect();
            levels.sort();
            levels.dedup();
            for wall in &f.walls {
                assert!(levels.contains(wall), "{name} {w:?}: wall {wall} has no fixed point");
            }
            for a in &levels {
                let at: Vec<_> = components_at(&comps, a).cloned().collect();
                let predicted = gls_jump(&at, a).unwrap();
                assert_eq!(f.density.jump_at(a), predicted, "{name} {w:?} at {a}");
            }
        }
    }
}

#[test]
fn convex_cases_are_log_concave_with_graham_drops() {
    for (name, p, ws) in generic_cases() {
        for w in ws {
            let f = dh_compute(&ToricModel::along(p.clone(), &w).unwrap()).unwrap();
            assert_eq!(f.density.total_mass(), volume(&p), "{name} {w:?}");
            assert_eq!(degree_check(&f), DegreeVerdict::Pass);
            assert!(logconcave_on_line(&f).unwrap().is_log_concave(), "{name} {w:?}");
            for a in f.interior_walls() {
                assert!(graham_wall_check(&f, a).unwrap(), "{name} {w:?} at {a}");
            }
        }
    }
}
