use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use super::*;
use crate::geometry::{build_voronoi, random_seeds, DomainPolygon, Point};
use crate::Error;

fn two_rect() -> crate::VoronoiMesh {
    build_voronoi(
        &[Point::new(0.25, 0.5), Point::new(0.75, 0.5)],
        &DomainPolygon::unit_square(),
    )
    .unwrap()
}

fn dir(x: f64, y: f64) -> Direction {
    Direction::normalized(vec![x, y]).unwrap()
}

#[test]
fn direction_validation() {
    assert!(Direction::new(vec![1.0, 0.0]).is_ok());
    assert!(matches!(
        Direction::new(vec![1.0, 1.0]),
        Err(Error::NotUnitDirection(_))
    ));
    assert!(Direction::normalized(vec![0.0, 0.0]).is_err());
    assert!(Direction::new(vec![0.0, 0.0, 1.0]).unwrap().as_point().is_err());
}

#[test]
fn dual_of_two_rectangles() {
    let mesh = two_rect();
    let d = directed_dual(&mesh, &dir(1.0, 0.0), CHARACTERISTIC_TOL).unwrap();
    assert_eq!(d.edges, vec![(0, 1)]);
    assert!(d.characteristic_facets.is_empty());

    let d = directed_dual(&mesh, &dir(0.0, 1.0), CHARACTERISTIC_TOL).unwrap();
    assert!(d.edges.is_empty());
    assert_eq!(d.characteristic_facets.len(), 1);
}

#[test]
fn dual_of_grid_diagonal() {
    let seeds = [
        Point::new(0.25, 0.25),
        Point::new(0.75, 0.25),
        Point::new(0.25, 0.75),
        Point::new(0.75, 0.75),
    ];
    let mesh = build_voronoi(&seeds, &DomainPolygon::unit_square()).unwrap();
    let omega = Direction::new(vec![FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
    let d = directed_dual(&mesh, &omega, CHARACTERISTIC_TOL).unwrap();
    assert_eq!(d.edges.len(), 4);
    assert_eq!(d.out_degree(0), 2);
    assert_eq!(d.in_degree(0), 0);
    assert_eq!(d.in_degree(3), 2);
    assert_eq!(d.out_degree(3), 0);
}

#[test]
fn projection_sort_examples() {
    let centres = [Point::new(0.25, 0.5), Point::new(0.75, 0.5)];
    assert_eq!(schedule_centers(&centres, &dir(1.0, 0.0)).unwrap().order, vec![0, 1]);
    assert_eq!(schedule_centers(&centres, &dir(-1.0, 0.0)).unwrap().order, vec![1, 0]);

    let tied = [Point::new(0.0, 0.0), Point::new(0.0, 1.0)];
    let s = schedule_centers(&tied, &dir(1.0, 0.0)).unwrap();
    assert_eq!(s.order, vec![0, 1]);
    assert_eq!(s.keys, vec![0.0, 0.0]);
}

#[test]
fn dimension_generic() {
    let centres = [[0.0, 0.0, 2.0], [0.0, 0.0, 1.0], [5.0, 5.0, 1.5]];
    let s = schedule_centers(&centres, &Direction::new(vec![0.0, 0.0, 1.0]).unwrap()).unwrap();
    assert_eq!(s.order, vec![1, 2, 0]);
    let err = schedule_centers(&centres, &dir(1.0, 0.0)).unwrap_err();
    assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 3 });
}

#[test]
fn verify_examples() {
    let dual = DirectedDual {
        n_nodes: 2,
        nodes: vec![0, 1],
        edges: vec![(0, 1)],
        edge_facets: vec![0],
        characteristic_facets: vec![],
    };
    let good = schedule_centers(&[[0.0], [1.0]], &Direction::new(vec![1.0]).unwrap()).unwrap();
    let r = verify_schedule(&good, &dual).unwrap();
    assert_eq!(r.backward_edges, 0);
    assert_eq!(r.first_violation, None);

    let bad = schedule_centers(&[[0.0], [1.0]], &Direction::new(vec![-1.0]).unwrap()).unwrap();
    assert_eq!(bad.order, vec![1, 0]);
    let r = verify_schedule(&bad, &dual).unwrap();
    assert_eq!(r.backward_edges, 1);
    assert_eq!(r.first_violation, Some((0, 1)));

    let three = schedule_centers(&[[0.0], [1.0], [2.0]], &Direction::new(vec![1.0]).unwrap()).unwrap();
    assert_eq!(verify_schedule(&three, &dual), Err(Error::NodeSetMismatch));
}

#[test]
fn kahn_examples() {
    let empty = DirectedDual {
        n_nodes: 3,
        nodes: vec![0, 1, 2],
        edges: vec![],
        edge_facets: vec![],
        characteristic_facets: vec![],
    };
    assert_eq!(kahn_toposort(&empty), Toposort::Order(vec![0, 1, 2]));

    let cycle = DirectedDual {
        edges: vec![(0, 1), (1, 2), (2, 0)],
        edge_facets: vec![0, 1, 2],
        ..empty.clone()
    };
    assert_eq!(
        kahn_toposort(&cycle),
        Toposort::Cycle(CycleWitness { nodes: vec![0, 1, 2] })
    );

    // 3 -> 0 -> 1 -> 2 -> 0 plus a tail 2 -> 4: node 3 escapes, 4 does not.
    let tail = DirectedDual {
        n_nodes: 5,
        nodes: vec![0, 1, 2, 3, 4],
        edges: vec![(3, 0), (0, 1), (1, 2), (2, 0), (2, 4)],
        edge_facets: vec![0; 5],
        characteristic_facets: vec![],
    };
    assert_eq!(
        kahn_toposort(&tail),
        Toposort::Cycle(CycleWitness { nodes: vec![0, 1, 2, 4] })
    );
}

#[test]
fn subdomain_examples() {
    let centres: Vec<Point> = (0..5).map(|k| Point::new(k as f64 * 0.1, 0.3)).collect();
    let omega = dir(-1.0, 0.2);
    let full = schedule_centers(&centres, &omega).unwrap();
    let all = subdomain_schedule(&centres, &[4, 3, 2, 1, 0], &omega).unwrap();
    assert_eq!(full, all);
    let one = subdomain_schedule(&centres, &[2], &omega).unwrap();
    assert_eq!(one.order, vec![2]);
    assert_eq!(one.rank[2], 0);
    assert_eq!(one.rank[0], UNSCHEDULED);
    assert_eq!(subdomain_schedule(&centres, &[], &omega), Err(Error::EmptySubset));
    assert_eq!(subdomain_schedule(&centres, &[9], &omega), Err(Error::UnknownId(9)));
}

#[test]
fn random_meshes_are_acyclic_in_every_direction() {
    let sq = DomainPolygon::unit_square();
    let seeds = random_seeds(100, &sq, 42).unwrap();
    let mesh = build_voronoi(&seeds, &sq).unwrap();
    for k in 0..32 {
        let omega = Direction::from_angle(0.3 + k as f64 * 0.19634954);
        let dual = directed_dual(&mesh, &omega, CHARACTERISTIC_TOL).unwrap();
        let s = schedule_centers(&mesh.centres(), &omega).unwrap();
        assert!(verify_schedule(&s, &dual).unwrap().is_valid());
        assert!(kahn_toposort(&dual).order().is_some());
        // antisymmetry
        let back = directed_dual(&mesh, &omega.reversed(), CHARACTERISTIC_TOL).unwrap();
        assert_eq!(back, dual.reversed());
    }
}
