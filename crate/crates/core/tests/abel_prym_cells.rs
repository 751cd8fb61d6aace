use prym_core::abel_prym::{all_multisets, AbelPrym};
use prym_core::fixtures;
use prym_core::RatMatrix;

fn lift_name(base: &str) -> String {
    match base {
        "h1" => "h1.b+".into(),
        "h7" => "h7.b+".into(),
        other => format!("{other}+"),
    }
}

#[test]
fn looped_path_table() {
    let ap = AbelPrym::new(&fixtures::looped_path()).unwrap();
    let table: [(&str, &str, u64, [[i64; 2]; 2]); 13] = [
        ("h1", "h4", 1, [[1, -1], [0, 1]]),
        ("h1", "h5", 1, [[1, -1], [0, -1]]),
        ("h1", "h6", 2, [[1, 0], [0, -2]]),
        ("h1", "h7", 1, [[1, 0], [0, 1]]),
        ("h3", "h4", 2, [[2, -1], [0, 1]]),
        ("h3", "h5", 2, [[2, -1], [0, -1]]),
        ("h3", "h6", 4, [[2, 0], [0, -2]]),
        ("h3", "h7", 2, [[2, 0], [0, 1]]),
        ("h4", "h5", 2, [[-1, -1], [1, -1]]),
        ("h4", "h6", 2, [[-1, 0], [1, -2]]),
        ("h4", "h7", 1, [[-1, 0], [1, 1]]),
        ("h5", "h6", 2, [[-1, 0], [-1, -2]]),
        ("h5", "h7", 1, [[-1, 0], [-1, 1]]),
    ];
    for (a, b, deg, m) in table {
        let edges = ap.total_edges(&[&lift_name(a), &lift_name(b)]).unwrap();
        let cell = ap.cell_matrix(&edges).unwrap();
        let want = RatMatrix::from_i64(&[m[0].to_vec(), m[1].to_vec()]);
        assert_eq!(cell.matrix, want, "cell {a} x {b}");
        assert_eq!(ap.cell_degree(&edges).unwrap(), deg);
    }
    let special = ap.total_edges(&["h3+", "h6-"]).unwrap();
    assert_eq!(ap.cell_matrix(&special).unwrap().matrix, RatMatrix::from_i64(&[vec![2, 0], vec![0, 2]]));
    for pair in [["h1.b+", "h3+"], ["h6+", "h7.b+"], ["h4+", "h4-"]] {
        let edges = ap.total_edges(&pair).unwrap();
        assert_eq!(ap.cell_degree(&edges).unwrap(), 0);
    }
}

#[test]
fn degree_dichotomy_exhaustive() {
    for cover in [fixtures::looped_path(), fixtures::double_edge_chain(), fixtures::unit_dumbbell(true)] {
        let ap = AbelPrym::new(&cover).unwrap();
        let n = ap.model().total().edge_count();
        for cell in all_multisets(n, ap.dimension()) {
            ap.cell_degree(&cell).unwrap();
        }
    }
}
