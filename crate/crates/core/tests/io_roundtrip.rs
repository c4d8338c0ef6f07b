use exlab_core::generate::gnp;
use exlab_core::io::{format_graph, format_grid, parse_graph, parse_grid, read_graph, write_graph};
use exlab_core::removal::GridColoring;
use exlab_core::RngStream;

#[test]
fn graph_text_round_trip() {
    let mut rng = RngStream::new(4);
    for n in [1, 7, 40] {
        let g = gnp(n, 0.3, &mut rng);
        assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
    }
}

#[test]
fn graph_file_round_trip() {
    let g = gnp(25, 0.5, &mut RngStream::new(8));
    let path = std::env::temp_dir().join(format!("exlab-core-graph-{}.txt", std::process::id()));
    write_graph(&g, &path).unwrap();
    assert_eq!(read_graph(&path).unwrap(), g);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn grid_round_trip() {
    let g = GridColoring::random(9, 3, &mut RngStream::new(2)).unwrap();
    assert_eq!(parse_grid(&format_grid(&g)).unwrap(), g);
    assert!(parse_grid("2 2\n0 1\n1").is_err());
}
