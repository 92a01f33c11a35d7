use std::path::PathBuf;

use leibniz_lab::families::build_example;
use leibniz_lab::json::{load_algebra, store_algebra};

fn read(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn example_fixture_round_trips() {
    let text = read("example.json");
    let l = load_algebra(&text).unwrap();
    assert_eq!(l, build_example());
    assert_eq!(store_algebra(&l) + "\n", text);
}

#[test]
fn third_family_fixture_is_leibniz() {
    let l = load_algebra(&read("f3_one.json")).unwrap();
    assert!(l.check_leibniz().is_ok());
    assert!(l.is_filiform().unwrap());
}
