//! Brute-force search for a non-short orientation of the square pyramid,
//! checked against the frozen copy in `data/`.

use std::path::PathBuf;

use polyop::chains::is_short;
use polyop::polytope::{DirectedPolytope, EdgeRecord, FaceRecord, PolytopeFile};

const BASE: [&str; 4] = ["a", "b", "c", "d"];

fn frozen_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/nonshort_pyramid.json")
}

/// Bit `i` of `mask` reverses the `i`-th edge: four base edges around the
/// square, then the four edges to the apex `t`.
fn pyramid(mask: u32) -> PolytopeFile {
    let mut pairs: Vec<(&str, &str)> = (0..4).map(|i| (BASE[i], BASE[(i + 1) % 4])).collect();
    pairs.extend(BASE.iter().map(|&b| (b, "t")));
    let edges = pairs
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| {
            let (from, to) = if mask >> i & 1 == 0 { (u, v) } else { (v, u) };
            EdgeRecord { from: from.into(), to: to.into() }
        })
        .collect();
    let mut faces = vec![FaceRecord { id: "abcd".into(), vertices: BASE.iter().map(|s| s.to_string()).collect() }];
    for i in 0..4 {
        let (u, v) = (BASE[i], BASE[(i + 1) % 4]);
        faces.push(FaceRecord { id: format!("{u}{v}t"), vertices: vec![u.into(), v.into(), "t".into()] });
    }
    let mut all: Vec<String> = BASE.iter().map(|s| s.to_string()).collect();
    all.push("t".into());
    faces.push(FaceRecord { id: "pyramid".into(), vertices: all.clone() });
    PolytopeFile { edges, faces, name: "square pyramid".into(), vertices: all }
}

/// The first valid orientation, by mask, that is not short.
fn first_non_short() -> Option<u32> {
    (0..256u32).find(|&mask| {
        let p = DirectedPolytope::from_file(&pyramid(mask)).expect("well-formed file");
        p.validate().is_valid() && !is_short(&p).short
    })
}

#[test]
fn search_reproduces_frozen_witness() {
    let mask = first_non_short().expect("some orientation is not short");
    let text = std::fs::read_to_string(frozen_path()).expect("frozen witness exists");
    let frozen: PolytopeFile = serde_json::from_str(&text).expect("frozen witness parses");
    assert_eq!(frozen, pyramid(mask));
}

#[test]
fn orientation_counts() {
    let (mut valid, mut non_short) = (0, 0);
    for mask in 0..256 {
        let p = DirectedPolytope::from_file(&pyramid(mask)).unwrap();
        if p.validate().is_valid() {
            valid += 1;
            non_short += usize::from(!is_short(&p).short);
        }
    }
    assert_eq!((valid, non_short), (64, 16));
}

#[test]
#[ignore = "rewrites the frozen witness"]
fn regenerate_witness() {
    let mask = first_non_short().expect("some orientation is not short");
    let text = serde_json::to_string_pretty(&pyramid(mask)).unwrap();
    std::fs::write(frozen_path(), text + "\n").unwrap();
}
