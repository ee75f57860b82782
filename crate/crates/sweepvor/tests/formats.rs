use sweepvor::formats::{coo_text, data_lines, iteration_table, parse_coo, schedule_csv, sig17};
use sweepvor::svg::{colour, normalise, render_svg, COLD, HOT};
use sweepvor_core::geometry::{build_voronoi, grid_seeds, DomainPolygon};
use sweepvor_core::linalg::Coo;
use sweepvor_core::sweep::schedule_centers;
use sweepvor_core::{Direction, Point};

#[test]
fn sig17_round_trips() {
    for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE, 1.0 - f64::EPSILON] {
        let s = sig17(v);
        assert_eq!(s.parse::<f64>().unwrap(), v);
        let mantissa = s.split('e').next().unwrap().trim_start_matches('-');
        assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17);
    }
}

#[test]
fn schedule_dump() {
    let centres = [Point::new(0.0, 0.0), Point::new(-1.0, 0.0), Point::new(1.0, 0.0)];
    let s = schedule_centers(&centres, &Direction::new(vec![1.0, 0.0]).unwrap()).unwrap();
    let csv = schedule_csv(&s);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "rank,cell_id,delta");
    assert_eq!(lines[1], format!("0,1,{}", sig17(-1.0)));
    assert_eq!(lines[2], format!("1,0,{}", sig17(0.0)));
    assert_eq!(lines[3], format!("2,2,{}", sig17(1.0)));
}

#[test]
fn coo_dumps_parse_back() {
    let coo = Coo {
        rows: 3,
        cols: 3,
        entries: vec![(0, 0, 1.0 / 3.0), (1, 0, -2.0), (2, 2, 0.0), (2, 1, 1e-300)],
    };
    let values = parse_coo(&coo_text(&coo, false)).unwrap();
    assert_eq!(values, vec![(0, 0, 1.0 / 3.0), (1, 0, -2.0), (2, 1, 1e-300)]);
    let pattern = coo_text(&coo, true);
    assert_eq!(pattern, "0 0\n1 0\n2 1\n");
    assert_eq!(parse_coo(&pattern).unwrap()[2], (2, 1, 1.0));
    assert!(parse_coo("1 x").is_err());
}

#[test]
fn iteration_table_layout() {
    let t = iteration_table(&["25".into(), "50".into()], &[vec![1.0, 0.5, 0.25], vec![2.0]]);
    let csv = t.to_csv("# c\n");
    let rows = data_lines(&csv);
    assert_eq!(rows[0], "iterates,25,50");
    assert_eq!(rows[1], format!("1,{},{}", sig17(1.0), sig17(2.0)));
    assert_eq!(rows[3], format!("3,{},", sig17(0.25)));
    assert_eq!(rows.len(), 4);
}

#[test]
fn colormap_is_linear() {
    let hex = |c: [u8; 3]| format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2]);
    assert_eq!(colour(0.0), hex(COLD));
    assert_eq!(colour(1.0), hex(HOT));
    assert_eq!(colour(-3.0), hex(COLD));
    let mid: [u8; 3] = std::array::from_fn(|i| ((COLD[i] as f64 + HOT[i] as f64) / 2.0).round() as u8);
    assert_eq!(colour(0.5), hex(mid));
    assert_eq!(normalise(&[1.0, 3.0, 2.0]), vec![0.0, 1.0, 0.5]);
    assert_eq!(normalise(&[4.0, 4.0]), vec![0.5, 0.5]);
}

#[test]
fn four_cell_svg() {
    let sq = DomainPolygon::unit_square();
    let mesh = build_voronoi(&grid_seeds(2, &sq), &sq).unwrap();
    let svg = render_svg(&mesh, None);
    assert_eq!(svg.matches("<polygon").count(), 4);
    assert_eq!(svg, render_svg(&mesh, None));
    let flat = render_svg(&mesh, Some(&[2.0; 4]));
    let fills: Vec<&str> = flat.match_indices("fill=\"").map(|(i, _)| &flat[i + 6..i + 13]).collect();
    assert!(fills.iter().all(|f| *f == fills[0]));
    let ramp = render_svg(&mesh, Some(&[0.0, 1.0, 2.0, 3.0]));
    assert!(ramp.contains(&colour(0.0)) && ramp.contains(&colour(1.0)));
}
