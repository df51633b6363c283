//! Efficiency test, dominance cuts and the Pareto filter against brute force.

use omega_core::efficient::{
    build_ps, dominates, pareto_minimals, project_to_efficient, CutPool, FeasibleRegion,
};
use omega_core::ilp::{SolveOutcome, Solver};
use omega_core::omega::initial_bounds;
use omega_core::oracle::cover_minimals;
use omega_core::Semigroup;
use proptest::prelude::*;

fn semigroup() -> impl Strategy<Value = Semigroup> {
    prop::collection::vec(3i64..=25, 2..=4)
        .prop_filter_map("not a semigroup", |g| Semigroup::from_generators(&g).ok())
}

/// Pareto minimals by the quadratic definition, sorted and deduplicated.
fn quadratic_minimals(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = points
        .iter()
        .filter(|a| !points.iter().any(|b| b != *a && b.iter().zip(a.iter()).all(|(u, v)| u <= v)))
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

fn volume(bounds: &[i64]) -> i64 {
    bounds.iter().map(|b| b + 1).product()
}

/// Every point of `Π [0, bounds_i]`, first coordinate fastest.
fn box_points(bounds: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut x = vec![0; bounds.len()];
    loop {
        out.push(x.clone());
        let mut i = 0;
        while i < x.len() && x[i] == bounds[i] {
            x[i] = 0;
            i += 1;
        }
        if i == x.len() {
            return out;
        }
        x[i] += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn pareto_filter_matches_quadratic_scan(
        points in prop::collection::vec(prop::collection::vec(0i64..=6, 3), 0..40)
    ) {
        let mut fast = pareto_minimals(&points);
        fast.sort();
        prop_assert_eq!(fast, quadratic_minimals(&points));
    }

    #[test]
    fn projection_lands_on_a_minimal_point_below(s in semigroup(), pick in any::<prop::sample::Index>(), salt in any::<u64>()) {
        let j = pick.index(s.embedding_dimension());
        let upper = initial_bounds(&s, j).unwrap().upper;
        prop_assume!(volume(&upper) <= 100_000);
        let region = FeasibleRegion::new(&s, j, upper.clone()).unwrap();
        let minimals = cover_minimals(&s, s.generators()[j]).unwrap();
        let feasible: Vec<Vec<i64>> = box_points(&upper).into_iter().filter(|x| region.admits(x)).collect();
        let tested = &feasible[(salt % feasible.len() as u64) as usize];
        let proj = project_to_efficient(&region, tested, &Solver::default()).unwrap();
        prop_assert!(region.admits(&proj.point));
        prop_assert!(proj.point.iter().zip(tested).all(|(a, b)| a <= b));
        prop_assert!(minimals.contains(&proj.point), "{:?} not minimal", proj.point);
        prop_assert_eq!(proj.psi, tested.iter().sum::<i64>() - proj.point.iter().sum::<i64>());
        prop_assert_eq!(proj.psi == 0, minimals.contains(tested));
    }

    #[test]
    fn master_optimum_is_best_uncut_point(s in semigroup(), pick in any::<prop::sample::Index>(), take in 1usize..=4) {
        let j = pick.index(s.embedding_dimension());
        let upper = initial_bounds(&s, j).unwrap().upper;
        prop_assume!(volume(&upper) <= 100_000);
        let region = FeasibleRegion::new(&s, j, upper.clone()).unwrap();
        let pool_points: Vec<Vec<i64>> = cover_minimals(&s, s.generators()[j])
            .unwrap()
            .into_iter()
            .filter(|x| x[j] == 0)
            .take(take)
            .collect();
        prop_assume!(!pool_points.is_empty());
        let pool = CutPool::from_points(pool_points.clone()).unwrap();
        let ip = build_ps(&region, &pool).unwrap();
        let expected = box_points(&upper)
            .into_iter()
            .filter(|x| x[j] == 0 && region.admits(x))
            .filter(|x| pool_points.iter().all(|q| !(q == x || dominates(q, x).unwrap())))
            .map(|x| x.iter().sum::<i64>())
            .max();
        match Solver::default().solve(&ip).unwrap() {
            SolveOutcome::Optimal { solution, value } => {
                let x = &solution[..s.embedding_dimension()];
                prop_assert_eq!(Some(value), expected);
                prop_assert!(region.admits(x));
                for q in &pool_points {
                    prop_assert!(x.iter().zip(q).any(|(a, b)| a < b), "{:?} is not cut off by {:?}", x, q);
                }
            }
            SolveOutcome::Infeasible => prop_assert_eq!(expected, None),
        }
    }
}
